# BOLab-Lite source package
import os
import sys

# Add the root directory to the path so `config` resolves from any entry point
sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

__version__ = "0.1.0"
