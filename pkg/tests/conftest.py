import os
import sys

# make the independent reference implementations importable as `oracles.*`
sys.path.insert(0, os.path.dirname(__file__))
