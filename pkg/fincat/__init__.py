# -*- coding: utf-8 -*-

__author__ = 'The fincat developers'
__version__ = '0.1.0'
