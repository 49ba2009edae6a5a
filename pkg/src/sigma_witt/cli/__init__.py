"""Expression parsing and report rendering"""
