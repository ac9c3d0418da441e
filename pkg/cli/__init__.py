"""
Interfaccia a riga di comando: simulate, sweep, measure, pipeline.
"""
