    # Steps:
    #  1. Open the gripper
    #  2. Put gripper above the handle
    #  3. Lower gripper around the handle
    #  4. Close gripper around the handle
    #  5. Pull the handle down
    if check("the robot's gripper is closed and the robot's gripper is not near the handle"):
        robot.open_gripper()
    elif check("the robot's gripper is not near the handle"):
        robot.place("gripper above handle")
    elif check("the robot's gripper is above the handle"):
        robot.move("gripper down around handle")
    elif check("the robot's gripper is open and the robot's gripper is around the handle"):
        robot.close_gripper()
    elif check("the robot's gripper is closed and the robot's gripper is around the handle"):
        robot.pull("handle down")
