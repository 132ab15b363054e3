# src/__init__.py
"""
Pacote principal do Binequality.
"""
