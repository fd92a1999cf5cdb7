    # Steps:
    #  1. Put gripper above the puck
    #  2. Drop gripper around the puck
    #  3. Close gripper around the puck
    #  4. Push the puck to the goal
    if check("the robot's gripper is not near the puck"):
        robot.place("gripper above puck")
    elif check("the robot's gripper is above the puck"):
        robot.drop("gripper around puck")
    elif check("the robot's gripper is open and the robot's gripper is around the puck"):
        robot.close_gripper()
    elif check("the robot's gripper is closed and the robot's gripper is around the puck"):
        robot.push("puck to goal")
