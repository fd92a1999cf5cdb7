    # Steps:
    #  1. Open the gripper
    #  2. Reach the goal behind the wall
    if check("the robot's gripper is closed"):
        robot.open_gripper()
    elif check("the robot's gripper is open"):
        robot.reach("goal")
