# This file marks the 'geometry' directory as a Python package.
