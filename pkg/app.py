import logging

import click
from flask import Flask, jsonify
from werkzeug.exceptions import HTTPException
from werkzeug.middleware.proxy_fix import ProxyFix

import settings
from errors import TerminationError
from extensions import db


def create_app(test_config=None):
    app = Flask(__name__)

    # Fix for running behind a reverse proxy (Traefik/Nginx)
    app.wsgi_app = ProxyFix(app.wsgi_app, x_for=1, x_proto=1, x_host=1, x_prefix=1)

    # Configuration
    app.config['SECRET_KEY'] = settings.SECRET_KEY
    app.config['SQLALCHEMY_DATABASE_URI'] = settings.DATABASE_URL
    app.config['SQLALCHEMY_TRACK_MODIFICATIONS'] = False

    if test_config:
        app.config.update(test_config)

    app.logger.setLevel(getattr(logging, settings.LOG_LEVEL, logging.INFO))

    db.init_app(app)

    with app.app_context():
        import models  # noqa: F401  registers the tables
        from routes import api_bp

        app.register_blueprint(api_bp)

    @app.errorhandler(TerminationError)
    def handle_termination_error(e):
        app.logger.info(f"[API] rejected input: {type(e).__name__}: {e}")
        return jsonify({'success': False, 'error': str(e), 'kind': type(e).__name__}), 400

    @app.errorhandler(HTTPException)
    def handle_http_error(e):
        if not e.code or e.code < 400:
            return e
        return jsonify({'success': False, 'error': e.description}), e.code

    @app.cli.command('init-db')
    def init_db():
        """Create the database tables."""
        db.create_all()
        click.echo('Tables created.')

    return app


app = create_app()

if __name__ == '__main__':
    app.run(debug=True)
