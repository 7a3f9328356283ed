"""Configuration Manager for Faultline"""

import copy
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from .cost_model import OBJECTIVES, ROTATION_CHOICES, CostConstants
from .exceptions import ValidationError
from .ft_overhead import REGIMES, FtParams, NoiseRegime, resolve_regime
from .utils import Limits

CONFIG_ENV_VAR = "FAULTLINE_CONFIG"

DATA_DIR = Path(__file__).parent / "data"

DEFAULT_CONFIG: Dict[str, Any] = {
    "estimate": {
        "objective": "vn",
        "eps_total": 1.0e-3,
        "pe_constant": 0.5,
    },
    "cost_constants": {
        "c_sel": 4,
        "c_ref": 16,
        "c_cmp": 16,
        "c_cmp_depth": 4,
        "c_sel_depth": 2,
        "c_ref_depth": 2,
        "c_anc": 3,
        "mu_cap": 32,
        "toffoli_t_count": 4,
        "rotation_t_per_bit": 4,
        "prepare_m_applications": 4,
        "prepare_r_applications": 2,
        "rotation_lambda": "count",
    },
    "overhead": {
        "regime": "moderate",
        "eps_total": 1.0e-2,
        "f_rsg": 1.0e9,
        "interleave": [1],
        "n_factories": 2,
        "c_distill": 120,
        "data_share": 0.5,
    },
    "regimes": {},
    "paths": {
        "molecules": str(DATA_DIR / "molecules.csv"),
        "counts": str(DATA_DIR / "logical_counts.csv"),
        "output_dir": "./faultline_output",
    },
    "seed": 42,
}


def _merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def parse_value(text: str) -> Any:
    """Interpret a command-line value the way YAML would ("1e-3" -> float)"""
    try:
        value = yaml.safe_load(text)
    except yaml.YAMLError:
        return text
    # PyYAML reads "1e-3" as a string (YAML 1.1 wants a dot)
    if isinstance(value, str):
        try:
            return float(value)
        except ValueError:
            return value
    return value


class ConfigManager:
    """Handle loading, validation, and access to Faultline configuration"""

    DEFAULT_CONFIG_PATH = Path.home() / ".faultline" / "config.yaml"

    def __init__(self, config_path: Optional[Path] = None):
        """Initialize config manager

        Args:
            config_path: Path to config file (defaults to $FAULTLINE_CONFIG,
                then ~/.faultline/config.yaml)
        """
        load_dotenv()
        self.explicit = config_path is not None or bool(os.getenv(CONFIG_ENV_VAR))
        if config_path is None and os.getenv(CONFIG_ENV_VAR):
            config_path = Path(os.environ[CONFIG_ENV_VAR])
        self.config_path = Path(config_path).expanduser() if config_path else self.DEFAULT_CONFIG_PATH
        self.config: Dict[str, Any] = copy.deepcopy(DEFAULT_CONFIG)

    def load(self) -> Dict[str, Any]:
        """Load configuration from file, merged over the defaults

        A missing default config file yields the built-in defaults; a missing
        file that was named explicitly is an error.

        Returns:
            Dictionary containing configuration

        Raises:
            FileNotFoundError: If an explicitly given config file doesn't exist
            yaml.YAMLError: If config file is invalid
        """
        if not self.config_path.exists():
            if self.explicit:
                raise FileNotFoundError(
                    f"Configuration file not found at {self.config_path}\n"
                    f"Run 'python setup.py' to create one, or drop --config to use the defaults."
                )
            self.config = copy.deepcopy(DEFAULT_CONFIG)
            return self.config

        with open(self.config_path, "r", encoding="utf-8") as f:
            loaded = yaml.safe_load(f) or {}
        if not isinstance(loaded, dict):
            raise yaml.YAMLError(f"{self.config_path}: top level must be a mapping")
        self.config = _merge(DEFAULT_CONFIG, loaded)
        return self.config

    def save(self, config: Optional[Dict[str, Any]] = None) -> None:
        """Save configuration to file

        Args:
            config: Configuration dictionary to save (defaults to the loaded one)
        """
        if config is not None:
            self.config = config
        self.config_path.parent.mkdir(parents=True, exist_ok=True)
        with open(self.config_path, "w", encoding="utf-8") as f:
            yaml.dump(self.config, f, default_flow_style=False, sort_keys=False)

    def get(self, key_path: str, default: Any = None) -> Any:
        """Get a configuration value using dot notation

        Example:
            config.get("overhead.regime", "moderate")
        """
        value = self.config
        for key in key_path.split("."):
            if not isinstance(value, dict):
                return default
            value = value.get(key)
            if value is None:
                return default
        return value

    def set(self, key_path: str, value: Any) -> None:
        """Set a configuration value using dot notation

        Example:
            config.set("overhead.regime", "high")
        """
        keys = key_path.split(".")
        config = self.config
        for key in keys[:-1]:
            if not isinstance(config.get(key), dict):
                config[key] = {}
            config = config[key]
        config[keys[-1]] = value

    def validate(self) -> tuple[bool, list[str]]:
        """Validate configuration values

        Returns:
            Tuple of (is_valid, list_of_errors)
        """
        errors = []

        objective = str(self.get("estimate.objective", "")).lower()
        if objective not in OBJECTIVES:
            errors.append(f"estimate.objective must be one of {', '.join(OBJECTIVES)}, got '{objective}'")
        for key in ("estimate.eps_total", "estimate.pe_constant", "overhead.eps_total",
                    "overhead.f_rsg", "overhead.n_factories", "overhead.c_distill"):
            if not _is_positive(self.get(key)):
                errors.append(f"{key} must be a positive number")

        for key, value in (self.get("cost_constants") or {}).items():
            if key not in CostConstants.__dataclass_fields__:
                errors.append(f"cost_constants.{key} is not a known constant")
            elif key == "rotation_lambda":
                if str(value).strip().lower() not in ROTATION_CHOICES:
                    errors.append(f"cost_constants.rotation_lambda must be one of {', '.join(ROTATION_CHOICES)}")
            elif not _is_positive(value):
                errors.append(f"cost_constants.{key} must be positive")

        share = self.get("overhead.data_share")
        if not isinstance(share, (int, float)) or not 0 < share <= 1:
            errors.append("overhead.data_share must be in (0, 1]")

        for value in self.get_interleave():
            if not isinstance(value, int) or value < 1:
                errors.append(f"overhead.interleave values must be integers >= 1, got {value!r}")

        try:
            self.get_regime()
        except ValueError as e:
            errors.append(f"overhead.regime: {e}")
        for name in self.get_custom_regimes():
            try:
                resolve_regime(name, self.get_custom_regimes())
            except ValueError as e:
                errors.append(f"regimes.{name}: {e}")

        for key in ("paths.molecules", "paths.counts"):
            path = self.get(key)
            if path and not Path(path).expanduser().exists():
                errors.append(f"{key} not found: {path}")

        if not isinstance(self.get("seed"), int):
            errors.append("seed must be an integer")

        return (len(errors) == 0, errors)

    def warnings(self) -> list[str]:
        """Non-fatal configuration issues"""
        notes = []
        for value in self.get_interleave():
            if isinstance(value, int) and value > Limits.INTERLEAVE_WARNING:
                notes.append(f"interleaving ratio {value} is above {Limits.INTERLEAVE_WARNING}")
        return notes

    def get_interleave(self) -> list:
        """Interleaving ratios as a list (a scalar in the file is accepted)"""
        value = self.get("overhead.interleave", [1])
        return list(value) if isinstance(value, (list, tuple)) else [value]

    def get_custom_regimes(self) -> Dict[str, Dict[str, Any]]:
        return dict(self.get("regimes") or {})

    def get_regime(self, name: Optional[str] = None) -> NoiseRegime:
        """Resolve a regime name against the presets and the regimes section"""
        return resolve_regime(name or self.get("overhead.regime", "moderate"), self.get_custom_regimes())

    def get_regime_names(self) -> list[str]:
        return sorted(set(REGIMES) | set(self.get_custom_regimes()))

    def get_cost_constants(self) -> CostConstants:
        return CostConstants.from_dict(self.get("cost_constants"))

    def get_ft_params(self, interleave: int = 1) -> FtParams:
        return FtParams(
            eps_total=float(self.get("overhead.eps_total", 1e-2)),
            f_rsg=float(self.get("overhead.f_rsg", 1e9)),
            interleave=interleave,
            n_factories=int(self.get("overhead.n_factories", 2)),
            c_distill=float(self.get("overhead.c_distill", 120)),
            data_share=float(self.get("overhead.data_share", 0.5)),
        )

    def get_output_dir(self) -> Path:
        """Get output directory path, creating it if needed"""
        path = Path(self.get("paths.output_dir", "./faultline_output")).expanduser()
        path.mkdir(parents=True, exist_ok=True)
        return path


def _is_positive(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and value > 0


@dataclass
class RunConfig:
    """Everything one batch run needs, file values overridden by CLI flags"""
    objective: str = "vn"
    eps_total: float = 1e-3
    pe_constant: float = 0.5
    constants: CostConstants = field(default_factory=CostConstants)
    regime: NoiseRegime = field(default_factory=lambda: REGIMES["moderate"])
    ft_params: FtParams = field(default_factory=FtParams)
    interleave: list[int] = field(default_factory=lambda: [1])
    molecules: Optional[Path] = None
    counts: Optional[Path] = None
    output_dir: Path = Path("./faultline_output")
    seed: int = 42

    @classmethod
    def from_manager(cls, manager: ConfigManager, **overrides: Any) -> "RunConfig":
        """Assemble from a loaded ConfigManager; None-valued overrides are ignored

        Raises:
            ValidationError: The merged configuration does not validate
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        mapping = {
            "objective": "estimate.objective",
            "eps_total": "estimate.eps_total",
            "regime": "overhead.regime",
            "molecules": "paths.molecules",
            "counts": "paths.counts",
            "output_dir": "paths.output_dir",
            "seed": "seed",
        }
        for key, path in mapping.items():
            if key in overrides:
                manager.set(path, str(overrides[key]) if key in ("molecules", "counts", "output_dir") else overrides[key])
        if "interleave" in overrides:
            manager.set("overhead.interleave", list(overrides["interleave"]))
        if "eps_overhead" in overrides:
            manager.set("overhead.eps_total", overrides["eps_overhead"])

        is_valid, errors = manager.validate()
        if not is_valid:
            raise ValidationError("invalid configuration:\n  • " + "\n  • ".join(errors))

        return cls(
            objective=str(manager.get("estimate.objective")).lower(),
            eps_total=float(manager.get("estimate.eps_total")),
            pe_constant=float(manager.get("estimate.pe_constant")),
            constants=manager.get_cost_constants(),
            regime=manager.get_regime(),
            ft_params=manager.get_ft_params(),
            interleave=[int(v) for v in manager.get_interleave()],
            molecules=Path(manager.get("paths.molecules")).expanduser(),
            counts=Path(manager.get("paths.counts")).expanduser(),
            output_dir=Path(manager.get("paths.output_dir")).expanduser(),
            seed=int(manager.get("seed")),
        )
