"""Metadata about the library for setup.py."""

__author__ = '@quadfunc'
__license__ = 'MIT'
__version__ = '0.1.0'
