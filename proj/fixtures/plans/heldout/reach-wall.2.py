    # Steps:
    #  1. Move the gripper to the goal
    if check("the robot's gripper is not near the goal"):
        robot.move("gripper to goal")
    elif check("the robot's gripper is near the goal"):
        robot.move("gripper to goal")
