    # Steps:
    #  1. Close the gripper
    #  2. Move the gripper in front of the button
    #  3. Push the button on the coffee machine
    if check("the robot's gripper is open"):
        robot.close_gripper()
    elif check("the robot's gripper is not near the button"):
        robot.move("gripper in front of button")
    elif check("the robot's gripper is near the button"):
        robot.push("button")
