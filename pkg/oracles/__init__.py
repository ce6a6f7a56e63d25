# This file marks the 'oracles' directory as a Python package.
