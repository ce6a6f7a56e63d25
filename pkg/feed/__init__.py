# This file marks the 'feed' directory as a Python package.
