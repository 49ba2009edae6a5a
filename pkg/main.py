import sys
import os

# Add src to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from runner.main import main as run_sigma_witt


def main():
    try:
        code = run_sigma_witt()
    except KeyboardInterrupt:
        print("\nInterrupted by user", file=sys.stderr)
        code = 130
    sys.exit(code)


if __name__ == "__main__":
    main()
