"""
 Configuration documents (WCL and JSON) and the validated run
 configuration of the memory models
"""
