    # Steps:
    #  1. Put gripper above the faucet handle
    #  2. Turn the faucet open
    if check("the robot's gripper is not above the faucet handle"):
        robot.place("gripper above faucet handle")
    elif check("the robot's gripper is above the faucet handle"):
        robot.turn("faucet open")
