    # Steps:
    #  1. Put the gripper above the button
    #  2. Press the button down from above
    # The button faces up, so we come from above.
    if check("the robot's gripper is not near the button"):
        robot.place("gripper above button")
    elif check("the robot's gripper is near the button"):
        robot.press("button down")
