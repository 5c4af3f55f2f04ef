"""
Planar contraction-decomposition toolkit - Flask application factory
Every pipeline stage is exposed as a `flask <command>` through blueprints
"""
import logging

from flask import Flask

# Import extensions
from extensions import pool

# Import blueprints
from blueprints.main import main_bp
from blueprints.layering import layering_bp
from blueprints.decompose import decompose_bp
from blueprints.solve import solve_bp
from blueprints.verify import verify_bp


def create_app(config_object='config.Config'):
    """Application factory pattern"""
    app = Flask(__name__)
    app.config.from_object(config_object)

    # Library modules log through the root logger; stderr keeps stdout clean for JSON
    logging.basicConfig(level=app.config['LOG_LEVEL'], format='%(levelname)s %(name)s: %(message)s')
    app.logger.setLevel(app.config['LOG_LEVEL'])

    # Initialize extensions
    pool.init_app(app)

    # Register blueprints
    app.register_blueprint(main_bp)
    app.register_blueprint(layering_bp)
    app.register_blueprint(decompose_bp)
    app.register_blueprint(solve_bp)
    app.register_blueprint(verify_bp)

    app.logger.debug(f'registered commands with {pool.default_threads} worker thread(s)')
    return app


# Create the app instance
app = create_app()

if __name__ == '__main__':
    from flask.cli import ScriptInfo
    app.cli.main(obj=ScriptInfo(create_app=lambda: app))
