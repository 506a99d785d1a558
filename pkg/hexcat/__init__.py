from .category import *
from .completion import *
from .declaration import *
from .directive import *
from .document import *
from .error import *
from .exponential import *
from .extract import *
from .finset import *
from .groupoid import *
from .instances import *
from .lifting import *
from .options import *
from .oracle import *
from .path import *
from .relation import *
from .report import *
from .stability import *
from .sums import *

__version__ = "0.1.0"
