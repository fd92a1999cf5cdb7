    # Steps:
    #  1. Put gripper above the puck
    #  2. Drop gripper around the puck
    #  3. Move the puck to the goal
    if check("the robot's gripper is not near the puck"):
        robot.place("gripper above puck")
    elif check("the robot's gripper is above the puck"):
        robot.drop("gripper around puck")
    elif check("the robot's gripper is around the puck"):
        robot.move("puck to goal")
