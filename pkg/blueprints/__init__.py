"""
Flask Blueprints
Each module attaches its commands to the top-level `flask` CLI
"""
