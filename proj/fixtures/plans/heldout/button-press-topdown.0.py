    # Steps:
    #  1. Move the gripper in front of the button
    #  2. Push the button
    if check("the robot's gripper is not near the button"):
        robot.move("gripper in front of button")
    elif check("the robot's gripper is near the button"):
        robot.push("button")
