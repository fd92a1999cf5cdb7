    # Steps:
    #  1. Put gripper above the door handle
    #  2. Push the door closed
    # The door only needs a push, no need to grab it.
    if check("the robot's gripper is not near the door handle"):
        robot.place("gripper above door handle")
    elif check("the robot's gripper is near the door handle"):
        robot.push("door closed")
