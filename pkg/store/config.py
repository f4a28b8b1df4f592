from pydantic.v1 import BaseSettings


class StoreConfig(BaseSettings):
    float_format: str = '%.17g'
    packed_magic: str = 'DRIFTBIN'
    packed_version: int = 1

    class Config:
        env_prefix = 'driftlab_store_'
        env_file = ".env"
