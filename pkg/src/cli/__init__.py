"""
Command-line front end: JSON presentations in, classification results out.
"""
