# This file marks the 'scattering' directory as a Python package.
