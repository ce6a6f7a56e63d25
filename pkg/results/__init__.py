# This file marks the 'results' directory as a Python package.
