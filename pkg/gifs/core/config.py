"""
GIFS Configuration Settings
Budgets, rendering defaults and logging options with environment variable support
"""

from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Optional


class Settings(BaseSettings):
    """Toolkit settings, overridable through GIFS_* environment variables"""
    
    model_config = SettingsConfigDict(
        env_prefix="GIFS_",
        env_file=".env",
        env_ignore_empty=True,
        extra="ignore"
    )
    
    PROJECT_NAME: str = "GIFS Attractor Toolkit"
    VERSION: str = "1.0.0"
    
    # Budget Configuration
    # GIFS_BUDGET overrides every budget below when set
    BUDGET: Optional[int] = None
    ENUMERATION_BUDGET: int = 10_000_000  # addresses
    TABLE_BUDGET: int = 1_000_000  # coefficient table entries
    CLOUD_BUDGET: int = 5_000_000  # product tuples per Hutchinson step
    
    # Logging Configuration
    LOG_LEVEL: str = "INFO"
    LOG_JSON: bool = True
    
    # Rendering Defaults
    DEFAULT_WIDTH: int = 800
    DEFAULT_HEIGHT: int = 800
    DENSITY_GAMMA: float = 0.5
    VIEWPORT_MARGIN: float = 0.05
    
    # Algorithm Defaults
    CHAOS_POINTS: int = 100_000
    CHAOS_BURN_IN: int = 200
    SYMBOL_BLOCK_SIZE: int = 4096
    DETERMINISTIC_DEPTH: int = 4  # deeper undecimated runs exceed CLOUD_BUDGET
    AFFINE_LEVEL: int = 4
    FIXED_POINT_TOLERANCE: float = 1e-12
    FIXED_POINT_MAX_ITERATIONS: int = 100_000
    
    @property
    def enumeration_budget(self) -> int:
        """Maximum number of addresses an enumeration may yield"""
        return self.BUDGET if self.BUDGET is not None else self.ENUMERATION_BUDGET
    
    @property
    def table_budget(self) -> int:
        """Maximum number of coefficient table entries per level"""
        return self.BUDGET if self.BUDGET is not None else self.TABLE_BUDGET
    
    @property
    def cloud_budget(self) -> int:
        """Maximum Cartesian product size of one Hutchinson evaluation"""
        return self.BUDGET if self.BUDGET is not None else self.CLOUD_BUDGET


# Create settings instance
settings = Settings()


def get_settings() -> Settings:
    """Get toolkit settings instance"""
    return settings
