"""
 A collection of pure Python helpers shared by the COMET and COSMOS
 memory models
"""
