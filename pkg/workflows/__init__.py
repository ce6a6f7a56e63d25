# This file marks the 'workflows' directory as a Python package.



