"""
Exact verification toolkit for the subdivision of the permutohedron into
images of Gelfand-Zetlin faces, the matching degeneration of a generic torus
orbit closure in the flag variety, and its pushforward to Grassmannians.
"""

from .degen import *  # noqa: F401,F403
from .exactlinalg import *  # noqa: F401,F403
from .flagmatroid import *  # noqa: F401,F403
from .grassmann import *  # noqa: F401,F403
from .gzface import *  # noqa: F401,F403
from .permcore import *  # noqa: F401,F403
from .polytope import *  # noqa: F401,F403
from .schubert import *  # noqa: F401,F403
from .svg import *  # noqa: F401,F403
from .weights import *  # noqa: F401,F403

__version__ = "0.1.0"
