"""Exact arithmetic: coefficient fields, rings, endomorphisms, deformed Witt algebras and ideals"""
