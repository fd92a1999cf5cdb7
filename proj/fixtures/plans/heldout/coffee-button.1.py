    # Steps:
    #  1. Put gripper above the button
    #  2. Press the button down
    if check("the robot's gripper is not above the button"):
        robot.move("gripper above button")
    elif check("the robot's gripper is above the button"):
        robot.press("button down")
