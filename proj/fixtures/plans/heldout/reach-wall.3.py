    # Steps:
    #  1. Close the gripper
    #  2. Move the gripper over the wall to the goal
    if check("the robot's gripper is open"):
        robot.close_gripper()
    elif check("the robot's gripper is closed"):
        robot.move("gripper over wall to goal")
