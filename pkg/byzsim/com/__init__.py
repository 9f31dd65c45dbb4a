from .errors import *
from .parallel import *
from .com import *
from .cache import *
