    # Steps:
    #  1. Move gripper around the faucet handle
    #  2. Turn the faucet open
    if check("the robot's gripper is not around the faucet handle"):
        robot.move("gripper around faucet handle")
    elif check("the robot's gripper is around the faucet handle"):
        robot.turn("faucet open")
