from .controllers import Controllers