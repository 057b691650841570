import os

from dotenv import load_dotenv

load_dotenv()


class Config:
    # Output Configuration
    OUTPUT_ROOT: str = os.getenv("BOLAB_OUTPUT_ROOT", "runs")
    CSV_FORMAT: str = ".16e"  # 17 significant digits, fixed

    # Spectral Configuration
    TOL_MEAN: float = float(os.getenv("BOLAB_TOL_MEAN", "1e-10"))
    PAD_FACTOR: float = 1.5
    OVERSAMPLING: int = int(os.getenv("BOLAB_OVERSAMPLING", "2"))
    FFT_WORKERS: int = int(os.getenv("BOLAB_FFT_WORKERS", "1"))

    # Solver Configuration
    DT: float = 1e-3
    DEALIAS_FRACTION: float = 2.0 / 3.0
    QUADRATURE_ORDER: int = 4
    BLOWUP_THRESHOLD: float = 1e6

    # Sign of the cubic term that makes E conserved under u_t + H u_xx - u u_x = 0
    CONSERVED_CUBIC_SIGN: int = -1

    # Picard Configuration
    PICARD_MAX_ORDER: int = 12
    PICARD_PHASE_STEP: float = 0.25

    # Space-time Configuration
    TIME_PADDING: int = 2
    MIN_TIME_SAMPLES: int = 8

    @classmethod
    def validate(cls) -> bool:
        """Validate that the numeric settings are usable"""
        checks = [
            cls.TOL_MEAN > 0,
            cls.OVERSAMPLING >= 1,
            cls.FFT_WORKERS >= 1,
            0 < cls.DEALIAS_FRACTION <= 1,
            cls.QUADRATURE_ORDER >= 1,
            cls.BLOWUP_THRESHOLD > 0,
            cls.PICARD_PHASE_STEP > 0,
        ]
        return all(checks)
