# Root conftest: makes `config` and `src` importable from the repository root
import os
import sys

sys.path.append(os.path.dirname(__file__))
