"""
 Analytic models and a trace-driven simulator for the COMET optically
 controlled phase-change main memory
"""

__version__ = '1.0.0'
