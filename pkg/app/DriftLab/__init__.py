from .drift_lab import DriftLab, get_app, get_controllers, set_app
from .context import RunContext
