from .dataset_store import DatasetStore
from .files import FileStore
