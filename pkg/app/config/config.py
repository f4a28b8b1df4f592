from pydantic.v1 import BaseSettings, validator


class Config(BaseSettings):
    workers: int = 1
    log_config: str = 'logging.ini'
    log_level: str = 'INFO'
    record_wall_time: bool = False

    @validator('workers')
    def clamp_workers(cls, v):
        return max(int(v), 1)

    class Config:
        env_prefix = 'driftlab_'
        env_file = ".env"
