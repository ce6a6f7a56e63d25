# This file marks the 'stages' directory as a Python package.
