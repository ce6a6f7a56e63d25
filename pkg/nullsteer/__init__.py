# This file marks the 'nullsteer' directory as a Python package.
