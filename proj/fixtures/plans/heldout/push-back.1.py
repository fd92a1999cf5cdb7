    # Steps:
    #  1. Put gripper behind the puck
    #  2. Push the puck backward
    if check("the robot's gripper is not behind the puck"):
        robot.place("gripper behind puck")
    elif check("the robot's gripper is behind the puck"):
        robot.push("puck backward")
