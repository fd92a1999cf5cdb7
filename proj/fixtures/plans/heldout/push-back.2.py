    # Steps:
    #  1. Move the gripper to the goal
    # The puck should follow the gripper.
    if check("the robot's gripper is open"):
        robot.move("gripper to goal")
    elif check("the robot's gripper is closed"):
        robot.open_gripper()
