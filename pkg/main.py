import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent / "src"))

from fransonsim.cli.main import main

if __name__ == "__main__":
    main()
