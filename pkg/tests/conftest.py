import sys
from pathlib import Path

# make sibling helper modules (_oracles) importable regardless of pytest's
# import mode
sys.path.insert(0, str(Path(__file__).parent))
