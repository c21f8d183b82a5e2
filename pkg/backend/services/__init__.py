"""Arc and jyā computation services"""
