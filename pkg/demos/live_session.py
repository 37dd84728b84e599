"""
Driving a live session with steering commands
=============================================

The session engine hosts a simulated person that clients steer with
forward/strafe/turn/march intents, exactly as the network service does.
Here we script the client in-process: walk toward the far wall, stop, then
march in place and watch the avatar glide on while the body stays put.

For the real thing over a socket:  saferoam serve --room rooms/square3.json --port 8765
"""

from saferoam import InputCommand, SessionEngine
from saferoam.geometry import default_room

engine = SessionEngine(default_room())
sid = engine.create_session()
hello = engine.hello(sid)
print(f"session {sid} in room {hello['room']['name']!r}, tick {hello['tick']:.4f}s")


def hold(command, ticks):
    """Re-send the command every tick, like a held key, and return the frames."""
    frames = []
    for _ in range(ticks):
        engine.apply_input(sid, command)
        frames.append(engine.tick(sid))
    return frames


def show(label, frame):
    real = frame["real"]
    avatar = frame["avatar"]
    print(
        f"{label:>14}: mode={frame['mode']:<16} "
        f"real=({real['x']:.2f}, {real['z']:.2f}) "
        f"avatar=({avatar['x']:.2f}, {avatar['z']:.2f}) "
        f"sound={'on' if frame['warning']['sound_on'] else 'off'}"
    )

show("spawn", engine.tick(sid))
show("walk 0.7s", hold(InputCommand(forward=1.0), 21)[-1])
show("stand 2s", hold(InputCommand(), 60)[-1])
show("march 3s", hold(InputCommand(march=True), 90)[-1])
show("back up 1.5s", hold(InputCommand(forward=-1.0), 45)[-1])

# Marching moved the avatar but not the real body.  Backing up put the wall
# behind the person inside the danger zone without them ever seeing it, so
# the sound alert is ringing at the end.
