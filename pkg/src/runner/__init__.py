"""Command-line runner for sigma-witt"""
