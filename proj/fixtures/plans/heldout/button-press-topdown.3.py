    # Steps:
    #  1. Put gripper above button
    #  2. Drop gripper around button
    #  3. Press down
    if check("the robot's gripper is not above the button"):
        robot.place("gripper above button")
    elif check("the robot's gripper is not around the button"):
        robot.drop("gripper around button")
    elif check("the robot's gripper is around the button"):
        robot.press("button down")
