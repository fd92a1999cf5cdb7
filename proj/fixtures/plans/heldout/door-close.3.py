    # Steps:
    #  1. Put gripper above the door handle
    #  2. Drop gripper around the door handle
    #  3. Close gripper
    #  4. Push the door closed
    if check("the robot's gripper is not near the door handle"):
        robot.place("gripper above door handle")
    elif check("the robot's gripper is above the door handle"):
        robot.move("gripper down around door handle")
    elif check("the robot's gripper is open and the robot's gripper is around the door handle"):
        robot.close_gripper()
    elif check("the robot's gripper is closed and the robot's gripper is around the door handle"):
        robot.push("door closed")
