    # Steps:
    #  1. Put gripper to the right of the faucet handle
    #  2. Push the faucet handle left
    if check("the robot's gripper is not right of the faucet handle"):
        robot.place("gripper right of faucet handle")
    elif check("the robot's gripper is right of the faucet handle"):
        robot.push("faucet handle left")
