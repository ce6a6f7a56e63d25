# This file marks the 'farfield' directory as a Python package.
