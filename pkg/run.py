#!/usr/bin/env python3
"""
Launcher script for pellsolver.
This script sets up the Python path and runs the command-line interface.
"""
import sys
from pathlib import Path

# Add src to Python path
src_path = Path(__file__).parent / "src"
sys.path.insert(0, str(src_path))

# Import and run the application
from pellsolver.main import main

if __name__ == "__main__":
    main()
