import os
from dataclasses import dataclass

from dotenv import load_dotenv

LOG_FORMAT = "%(asctime)s %(name)s:%(levelname)s:%(message)s"


@dataclass(frozen=True)
class Settings:
    """Runtime configuration read from the environment (and an optional .env file)"""
    seed: int = 0
    log_level: str = "WARNING"
    oracle_max_records: int = 8

    @classmethod
    def from_env(cls) -> "Settings":
        load_dotenv()
        return cls(
            seed=int(os.getenv("RULEDFORMS_SEED", "0")),
            log_level=os.getenv("RULEDFORMS_LOG_LEVEL", "WARNING").upper(),
            oracle_max_records=int(os.getenv("RULEDFORMS_ORACLE_MAX_RECORDS", "8")),
        )
