    # Steps:
    #  1. Put gripper above the handle
    #  2. Press the handle down
    if check("the robot's gripper is not near the handle"):
        robot.place("gripper above handle")
    elif check("the robot's gripper is near the handle"):
        robot.press("handle down")
