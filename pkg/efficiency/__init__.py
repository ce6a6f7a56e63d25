# This file marks the 'efficiency' directory as a Python package.
