# -*- coding: utf-8 -*-

__author__ = """pyHavSwarm developers"""
__email__ = 'pyhavswarm@users.noreply.github.com'
__version__ = '0.1.0'
