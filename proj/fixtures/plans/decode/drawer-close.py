# drawer-close: push the drawer closed
def drawer_close(robot):
    # Steps:
    #  1. Open the gripper if it is closed far from the handle
    #  2. Put the gripper above the drawer handle
    #  3. Lower it around the handle
    #  4. Grab the handle
    #  5. Push the drawer shut
    # The handle has to be held before pushing, so the grasp comes first.
    if check("the gripper is closed and not near the drawer handle"):
        robot.open_gripper()
    # Not there yet: approach from above.
    elif check("the gripper is not near the drawer handle"):
        robot.move("gripper above drawer handle")
    elif check("the gripper is above the drawer handle"):
        robot.move("gripper down around drawer handle")
    elif check("the gripper is open and around the drawer"):
        robot.close_gripper()
    elif check("the gripper is closed and around the drawer"):
        robot.push("drawer closed")
