"""
 Crossbar (COSMOS-style) optical phase-change memory baseline
"""
