from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict

env_path = Path(__file__).parent.parent / ".env"


class NumericsConfig(BaseSettings):
    """Numerical tolerances and cutoffs shared by every computation"""

    model_config = SettingsConfigDict(env_file=env_path, extra="ignore")

    HERMITIAN_TOL: float = 1e-10
    POSITIVITY_TOL: float = 1e-10
    COMPLETENESS_TOL: float = 1e-9
    UNIT_NORM_TOL: float = 1e-10
    TRACE_TOL: float = 1e-10

    # Собственные значения не выше порога не входят в состояние
    EIGEN_CUTOFF: float = 1e-10
    # Первая компонента собственного вектора с модулем выше порога делается вещественной положительной
    PHASE_CUTOFF: float = 1e-8
    DENOMINATOR_CUTOFF: float = 1e-12

    PROBABILITY_FLOOR: float = 1e-12
    DISTRIBUTION_TOL: float = 1e-9
    POWER_SUM_FLOOR: float = 1e-15
    CONJUGACY_TOL: float = 1e-12
    IMAGINARY_TOL: float = 1e-10

    VIOLATION_TOL: float = 1e-9

    REGULARIZATION: float = 1e-8
    MAX_RESAMPLES: int = 8


class AppConfig(BaseSettings):
    """Application configuration using Pydantic"""

    model_config = SettingsConfigDict(env_file=env_path, extra="ignore")

    DEBUG: bool = False
    LOG_LEVEL: str = "WARNING"
    REPORT_DIGITS: int = 9
    FUZZ_JOBS: int = 1
    DEFAULT_ALPHA: float = 2.0


# Singleton instances
numerics_config = NumericsConfig()
app_config = AppConfig()
