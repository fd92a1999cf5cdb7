    # Steps:
    #  1. Put gripper in front of the puck
    #  2. Slide the puck to the goal
    if check("the robot's gripper is not near the puck"):
        robot.place("gripper in front of puck")
    elif check("the robot's gripper is near the puck"):
        robot.slide("puck to goal")
