    # Steps:
    #  1. Put gripper above the wall
    #  2. Move the gripper to the goal
    if check("the robot's gripper is not above the wall"):
        robot.place("gripper above wall")
    elif check("the robot's gripper is above the wall"):
        robot.move("gripper to goal")
