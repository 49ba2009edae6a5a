"""sigma-witt source tree"""
