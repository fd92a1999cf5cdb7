    # Steps:
    #  1. Move the gripper in front of the handle
    #  2. Push the handle
    if check("the robot's gripper is not near the handle"):
        robot.move("gripper in front of handle")
    elif check("the robot's gripper is near the handle"):
        robot.push("handle")
