    # Steps:
    #  1. Open the gripper
    #  2. Put gripper above the puck
    #  3. Drop gripper around the puck
    #  4. Close gripper around the puck
    #  5. Lift the puck over the wall to the goal
    if check("the robot's gripper is closed and the robot's gripper is not near the puck"):
        robot.open_gripper()
    elif check("the robot's gripper is not near the puck"):
        robot.place("gripper above puck")
    elif check("the robot's gripper is above the puck"):
        robot.drop("gripper around puck")
    elif check("the robot's gripper is open and the robot's gripper is around the puck"):
        robot.close_gripper()
    elif check("the robot's gripper is closed and the robot's gripper is around the puck"):
        robot.move("puck over wall to goal")
