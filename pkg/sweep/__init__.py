# This file marks the 'sweep' directory as a Python package.
