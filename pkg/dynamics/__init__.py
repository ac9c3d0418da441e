"""
Dinamiche: mappe logistiche ricorsive, incursive e iperincursive.

- maps.py: passi singoli
- simulate.py: traiettorie seminate
- ensemble.py: kernel vettoriale per molti run
- sweep.py: statistiche di sopravvivenza su griglie di parametro
- export.py: CSV/JSON
"""
