"""
Configuration management for matrixless.
"""
import os
from pathlib import Path

try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass  # dotenv not available


class Config:
    """Application configuration."""

    # Project paths - use CWD for deployed environments
    PROJECT_ROOT = Path(os.getenv("PROJECT_ROOT", Path.cwd()))

    # On-disk cache for reference spectra
    CACHE_DIR = Path(os.getenv("MATRIXLESS_CACHE_DIR", PROJECT_ROOT / ".matrixless_cache"))

    # Number of worker processes for eigenvalue extraction
    WORKERS: int = int(os.getenv("MATRIXLESS_WORKERS", "1"))

    # Precompute defaults (coarse grid size, number of levels, decimal digits)
    DEFAULT_N1: int = int(os.getenv("MATRIXLESS_N1", "100"))
    DEFAULT_K: int = int(os.getenv("MATRIXLESS_LEVELS", "5"))
    DEFAULT_DIGITS: int = int(os.getenv("MATRIXLESS_DIGITS", "60"))

    # Symbol validation
    MONOTONE_SAMPLES: int = int(os.getenv("MATRIXLESS_MONOTONE_SAMPLES", "10000"))
    # |g(theta)| below G_FLOOR_REL * sum|c_k(g)| counts as a zero of g
    G_FLOOR_REL: float = 1e-14

    # Reference spectra: absolute bisection width in double precision
    ORACLE_TOL: float = float(os.getenv("MATRIXLESS_ORACLE_TOL", "1e-13"))

    # Eigensolver and root finder limits
    BREAKDOWN_RETRIES: int = 3
    INVERSE_MAX_ITER: int = 400
    INVERSE_BISECT_WIDTH: float = 1e-3

    # Reconstruction works in chunks of this many indices
    APPROX_CHUNK: int = 65536

    # Harness
    # Ratio of the even and odd error maxima above which a sweep cell is flagged
    PARITY_THRESHOLD: float = 2.0
    DEFAULT_ORDERS = (256, 512, 1024)

    # Persisted artifacts
    TABLE_FORMAT_VERSION: int = 1

    # Logging
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "INFO")
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    @classmethod
    def validate(cls) -> list[str]:
        """
        Validate configuration.

        Returns:
            List of validation error messages (empty if valid)
        """
        errors = []

        if cls.WORKERS < 1:
            errors.append(f"MATRIXLESS_WORKERS must be >= 1, got {cls.WORKERS}")

        if cls.DEFAULT_K < 1:
            errors.append(f"MATRIXLESS_LEVELS must be >= 1, got {cls.DEFAULT_K}")

        if cls.DEFAULT_N1 < cls.DEFAULT_K + 5:
            errors.append(
                f"MATRIXLESS_N1={cls.DEFAULT_N1} too small for {cls.DEFAULT_K} levels "
                f"(need n1 >= K + 5)"
            )

        if 16 < cls.DEFAULT_DIGITS < 20:
            errors.append(
                f"MATRIXLESS_DIGITS={cls.DEFAULT_DIGITS}: use <= 16 for double or >= 20 for extended"
            )

        if cls.MONOTONE_SAMPLES < 2:
            errors.append("MATRIXLESS_MONOTONE_SAMPLES must be >= 2")

        if not cls.ORACLE_TOL > 0:
            errors.append("MATRIXLESS_ORACLE_TOL must be positive")

        return errors

    @classmethod
    def is_valid(cls) -> bool:
        """Check if configuration is valid."""
        return len(cls.validate()) == 0

    @classmethod
    def get_summary(cls) -> dict:
        """Get configuration summary (safe for logging)."""
        return {
            "cache_dir": str(cls.CACHE_DIR),
            "workers": cls.WORKERS,
            "default_n1": cls.DEFAULT_N1,
            "default_k": cls.DEFAULT_K,
            "default_digits": cls.DEFAULT_DIGITS,
            "monotone_samples": cls.MONOTONE_SAMPLES,
            "oracle_tol": cls.ORACLE_TOL,
            "log_level": cls.LOG_LEVEL,
        }
