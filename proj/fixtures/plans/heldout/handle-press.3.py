    # Steps:
    #  1. Press the handle down
    if check("the robot's gripper is above the handle"):
        robot.press("handle down")
