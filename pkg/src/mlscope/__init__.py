"""mlscope: an inspectable ML workbench.

Three engines, each observable end to end:

- ``mlscope.isochrome``: k-means color deconstruction of images into
  isochromatic layers and 3D point clouds.
- ``mlscope.haptics``: STFT-based beat/note/accent extraction compiled
  into finger-addressed haptic scripts.
- ``mlscope.qlearn``: tabular Q-learning on human-editable gridworlds
  with real-time, steppable training sessions.

``mlscope.service`` exposes the engines over HTTP + WebSocket for the
interactive sandbox UI; ``mlscope.cli`` is the batch front door.
"""

__version__ = "0.1.0"
