    # Steps:
    #  1. Open the gripper
    #  2. Put gripper above the door handle
    #  3. Drop gripper around the door handle
    #  4. Close gripper around the door handle
    #  5. Pull the door
    if check("the robot's gripper is closed and the robot's gripper is not near the door handle"):
        robot.open_gripper()
    elif check("the robot's gripper is not near the door handle"):
        robot.place("gripper above door handle")
    elif check("the robot's gripper is above the door handle"):
        robot.drop("gripper around door handle")
    elif check("the robot's gripper is open and the robot's gripper is around the door handle"):
        robot.close_gripper()
    elif check("the robot's gripper is closed and the robot's gripper is around the door handle"):
        robot.pull("door open")
