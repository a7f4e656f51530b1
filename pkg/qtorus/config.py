from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class CEnv(BaseSettings):
    model_config = SettingsConfigDict(env_file=Path(__file__).parent.parent / ".env", extra="ignore")

    QTORUS_PORT: int = 6542
    QTORUS_LOG_FILE: Path = Path("logs/qtorus.log")
    QTORUS_LOG_LEVEL: str = "WARNING"
    QTORUS_HEARTBEAT_MINS: float = 5.0

    DEFAULT_Q_EXP: int = 1
    NUMERIC_TOL: float = 1e-9

    SCAN_WORD_LEN: int = 12
    SCAN_WORKERS: int = 4
    SCAN_SEED: int = 0

    SELFTEST_PRIMES: list[int] = [3, 5, 7]


def get_env() -> CEnv:
    """Get environment configuration (useful for testing)"""
    return CEnv()

c_env = get_env()

if __name__ == "__main__":
    print(c_env)
