# -*- coding: utf-8 -*-

"""Top-level package for splitlora."""

__author__ = """Jonas Teufel"""
__email__ = 'jonseb1998@gmail.com'
__version__ = '0.2.0'
