import os
from dataclasses import dataclass, replace

_ENV_JET_CEILING = "SINGORD_JET_CEILING"


@dataclass(frozen=True)
class Settings:
    jet_ceiling: int = 64
    initial_jet_order: int = 4
    coefficient_height: int = 9
    max_resamples: int = 100
    trials: int = 5
    shear_attempts: int = 5
    member_attempts: int = 5

    @classmethod
    def from_env(cls) -> "Settings":
        settings = cls()
        raw = os.environ.get(_ENV_JET_CEILING)
        if raw is None or not raw.strip():
            return settings
        try:
            ceiling = int(raw)
        except ValueError:
            raise ValueError(f"{_ENV_JET_CEILING} must be an integer, got {raw!r}") from None
        if ceiling < settings.initial_jet_order:
            raise ValueError(
                f"{_ENV_JET_CEILING} must be at least {settings.initial_jet_order}, got {ceiling}"
            )
        return replace(settings, jet_ceiling=ceiling)


DEFAULT_SETTINGS = Settings()


def resolve(settings: Settings | None) -> Settings:
    return DEFAULT_SETTINGS if settings is None else settings
