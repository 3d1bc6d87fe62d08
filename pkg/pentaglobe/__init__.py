"""Edge-congruent pentagonal earth map tilings of the sphere"""
__version__ = '0.1.0'
