    # Steps:
    #  1. Grab the coffee machine
    #  2. Push the button
    if check("the robot's gripper is not near the coffee machine"):
        robot.move("gripper around coffee machine")
    elif check("the robot's gripper is near the coffee machine"):
        robot.push("button")
