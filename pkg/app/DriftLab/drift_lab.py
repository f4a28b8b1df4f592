import logging
from typing import Optional

from app.config.config import Config
from store.config import StoreConfig
from store.dataset_store import DatasetStore

log = logging.getLogger(__name__)

_current: Optional["DriftLab"] = None


class DriftLab:
    """Process-wide toolkit state: settings, the dataset store and the controllers."""

    def __init__(self, config: Config = None, store_config: StoreConfig = None):
        self.config = config or Config()
        self.store = DatasetStore(store_config or StoreConfig())
        # app.controllers imports app.DriftLab.context through the bench runner
        from app.controllers import Controllers
        self.controllers = Controllers()

    @property
    def workers(self) -> int:
        return self.config.workers

    def bench_workers(self, requested: Optional[int] = None) -> int:
        """Requested concurrency capped by DRIFTLAB_WORKERS."""
        if requested is None:
            return self.config.workers
        return max(1, min(int(requested), self.config.workers))


def set_app(app: DriftLab) -> DriftLab:
    global _current
    _current = app
    log.debug('driftlab: %d workers, store format %s', app.workers, app.store.config.float_format)
    return app


def get_app() -> DriftLab:
    """The installed toolkit, created from the environment on first use."""
    if _current is None:
        return set_app(DriftLab())
    return _current


def get_controllers():
    return get_app().controllers
