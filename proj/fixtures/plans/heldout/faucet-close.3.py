    # Steps:
    #  1. Move gripper around the faucet handle
    #  2. Close the gripper
    #  3. Turn the faucet closed
    if check("the robot's gripper is not around the faucet handle"):
        robot.move("gripper around faucet handle")
    elif check("the robot's gripper is open"):
        robot.close_gripper()
    elif check("the robot's gripper is closed"):
        robot.turn("faucet closed")
