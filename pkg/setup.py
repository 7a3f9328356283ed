"""Interactive Setup Wizard for Faultline

Writes ~/.faultline/config.yaml. This is not a packaging script; install the
dependencies with `pip install -r requirements.txt`.
"""

__version__ = "1.0.0"

import copy
import sys
from typing import Any

import yaml

from modules.config_manager import DEFAULT_CONFIG, ConfigManager, parse_value
from modules.ft_overhead import REGIMES


def print_header():
    """Print welcome header"""
    print("\n" + "=" * 60)
    print("🧮 Faultline - Setup Wizard")
    print("=" * 60)
    print("\nThis wizard writes your default estimate and overhead settings.")
    print("Press Enter to keep the value in brackets.")
    print("You can always edit ~/.faultline/config.yaml later.\n")


def prompt_with_default(prompt: str, default: Any) -> Any:
    """Prompt user with a default value

    Args:
        prompt: Prompt message
        default: Default value (its type is kept when the user presses Enter)

    Returns:
        Parsed user input or default
    """
    response = input(f"  {prompt} [{default}]: ").strip()
    return parse_value(response) if response else default


def prompt_choice(prompt: str, choices: list[str], default: str) -> str:
    """Prompt until one of `choices` is entered"""
    while True:
        response = input(f"  {prompt} ({'/'.join(choices)}) [{default}]: ").strip() or default
        if response in choices:
            return response
        print(f"  ⚠️  Please enter one of: {', '.join(choices)}")


def setup_estimate(config: dict) -> None:
    """Cost-model settings"""
    print("\n" + "=" * 60)
    print("🧮 Logical Cost Model")
    print("=" * 60)
    section = config["estimate"]
    section["objective"] = prompt_choice("Objective", ["vn", "vd"], section["objective"])
    section["eps_total"] = prompt_with_default("Total error budget in Hartree", section["eps_total"])


def setup_overhead(config: dict) -> None:
    """Fault-tolerant overhead settings"""
    print("\n" + "=" * 60)
    print("🏗️  Fault-Tolerant Overhead")
    print("=" * 60)
    section = config["overhead"]
    section["regime"] = prompt_choice("Default noise regime", sorted(REGIMES), section["regime"])
    section["eps_total"] = prompt_with_default("Overall failure budget", section["eps_total"])
    section["f_rsg"] = prompt_with_default("RSG clock rate in Hz", section["f_rsg"])
    interleave = prompt_with_default("Interleaving ratios (comma-separated)", ",".join(map(str, section["interleave"])))
    section["interleave"] = [int(v) for v in str(interleave).split(",") if v.strip()]


def setup_paths(config: dict) -> None:
    """Input and output locations"""
    print("\n" + "=" * 60)
    print("📂 Paths")
    print("=" * 60)
    section = config["paths"]
    for key, label in (("molecules", "Molecules CSV"), ("counts", "Published logical counts CSV"),
                       ("output_dir", "Output directory")):
        section[key] = str(prompt_with_default(label, section[key]))
    config["seed"] = prompt_with_default("Random seed for verification", config["seed"])


def main():
    """Main setup wizard"""
    if len(sys.argv) > 1:
        print("❌ setup.py is the configuration wizard and takes no arguments.")
        print("   Install dependencies with: pip install -r requirements.txt")
        sys.exit(1)

    print_header()
    config = copy.deepcopy(DEFAULT_CONFIG)
    setup_estimate(config)
    setup_overhead(config)
    setup_paths(config)

    manager = ConfigManager(ConfigManager.DEFAULT_CONFIG_PATH)
    manager.config = config
    is_valid, errors = manager.validate()
    if not is_valid:
        print("\n❌ Configuration errors:")
        for error in errors:
            print(f"  • {error}")
        sys.exit(1)

    print("\n" + "=" * 60)
    print("💾 Saving Configuration")
    print("=" * 60)

    config_path = manager.config_path
    if config_path.exists():
        overwrite = input(f"\n  Config already exists at {config_path}\n  Overwrite? (y/n) [n]: ").strip().lower()
        if overwrite != "y":
            print("\n  ❌ Setup cancelled. Existing config preserved.")
            return

    manager.save()
    print(f"\n  ✅ Configuration saved to {config_path}")

    print("\n" + "=" * 60)
    print("✅ Setup Complete!")
    print("=" * 60)
    print("\nNext steps:")
    print("  1. Run: python main.py verify --suite all")
    print("  2. Run: python main.py estimate")
    print("  3. Run: python main.py overhead --regime both")
    print("\nFor help: python main.py --help")
    print()


if __name__ == "__main__":
    try:
        main()
    except KeyboardInterrupt:
        print("\n\n❌ Setup cancelled by user.")
        sys.exit(1)
    except (ValueError, yaml.YAMLError) as e:
        print(f"\n\n❌ Error during setup: {e}")
        sys.exit(1)
