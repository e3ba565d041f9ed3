from ._finegrain import *  # noqa: F401,F403
from ._finegrain import __doc__  # noqa: F401
