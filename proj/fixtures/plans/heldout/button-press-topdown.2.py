    # Steps:
    #  1. Close the gripper
    #  2. Push down on the button
    if check("the robot's gripper is open"):
        robot.close_gripper()
    elif check("the robot's gripper is closed"):
        robot.push("button down")
