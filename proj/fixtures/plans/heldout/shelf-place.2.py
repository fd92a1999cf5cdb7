    # Steps:
    #  1. Put gripper above the shelf
    #  2. Put the puck on the shelf
    if check("the robot's gripper is not above the shelf"):
        robot.place("gripper above shelf")
    elif check("the robot's gripper is above the shelf"):
        robot.place("puck on shelf")
