"""sigma-witt - exact σ-deformed Witt algebras, residual checks and simplicity certificates"""
