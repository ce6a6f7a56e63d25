# This file marks the 'assets' directory as a Python package.
