    # Steps:
    #  1. Open the gripper
    #  2. Move gripper around the faucet handle
    #  3. Close gripper around the faucet handle
    #  4. Turn the faucet open to the right
    if check("the robot's gripper is closed and the robot's gripper is not near the faucet handle"):
        robot.open_gripper()
    elif check("the robot's gripper is not around the faucet handle"):
        robot.move("gripper around faucet handle")
    elif check("the robot's gripper is open"):
        robot.close_gripper()
    elif check("the robot's gripper is closed and the robot's gripper is around the faucet handle"):
        robot.turn("faucet open")
