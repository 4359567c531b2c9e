"""
Simple test script to verify the installation and basic functionality.
Run this after installation to ensure everything is working.
"""

import sys


def test_imports():
    """Test if all required packages are installed."""
    print("Testing package imports...")

    try:
        import pydantic_settings
        print("✓ pydantic-settings installed")
    except ImportError:
        print("✗ pydantic-settings not installed")
        return False

    try:
        import sympy
        print(f"✓ SymPy {sympy.__version__} installed")
    except ImportError:
        print("✗ SymPy not installed")
        return False

    try:
        import networkx
        print(f"✓ NetworkX {networkx.__version__} installed")
    except ImportError:
        print("✗ NetworkX not installed")
        return False

    try:
        import ppl
        print("✓ pplpy installed")
    except ImportError:
        print("✗ pplpy not installed")
        return False

    return True


def test_config():
    """Test if configuration is set up."""
    print("\nTesting configuration...")

    try:
        from app.config import settings
        print("✓ Config loaded")
        print(f"✓ Cache directory: {settings.cache_dir}")
        print(f"✓ Guards: star n ≤ {settings.star_n_max}, pair n ≤ {settings.pair_n_max}")
        return True
    except Exception as e:
        print(f"✗ Config error: {str(e)}")
        return False


def test_codes():
    """Test code construction."""
    print("\nTesting code families...")

    try:
        from app.core.codes import pair_code, path_code, star_code

        if len(star_code(2)) == 5 and len(pair_code(1)) == 5 and len(path_code((5,))) == 13:
            print("✓ Star, pair and path codes built")
            return True
        print("✗ Unexpected code sizes")
        return False
    except Exception as e:
        print(f"✗ Code construction error: {str(e)}")
        return False


def test_basic_functionality():
    """Test a tiny end-to-end computation."""
    print("\nTesting basic functionality...")

    try:
        from app.core.codes import star_code
        from app.core.statepoly import state_polytope_alg35
        from app.core.toric import code_matrix, ugb

        matrix = code_matrix(star_code(3))
        basis = ugb(matrix, 4)
        result = state_polytope_alg35(matrix, basis)

        if len(basis) == 3 and result.polytope.vertex_count == 6:
            print("✓ UGB and state polytope of S_3 computed (hexagon)")
            return True
        print(f"✗ Got {len(basis)} binomials and {result.polytope.vertex_count} vertices")
        return False
    except Exception as e:
        print(f"✗ Basic functionality error: {str(e)}")
        return False


def main():
    """Run all tests."""
    print("=" * 60)
    print("Neural Code Toric Toolkit - Installation Test")
    print("=" * 60)

    results = []

    # Run tests
    results.append(("Imports", test_imports()))
    results.append(("Configuration", test_config()))
    results.append(("Code Families", test_codes()))
    results.append(("Basic Functionality", test_basic_functionality()))

    # Summary
    print("\n" + "=" * 60)
    print("Test Summary")
    print("=" * 60)

    for test_name, passed in results:
        status = "✓ PASSED" if passed else "✗ FAILED"
        print(f"{test_name}: {status}")

    all_passed = all(result[1] for result in results)

    print("\n" + "=" * 60)
    if all_passed:
        print("✓ All tests passed! System is ready to use.")
        print("\nNext steps:")
        print("1. Run the test suite: pytest -m 'not slow'")
        print("2. Try the CLI: python -m app.main --pretty ugb --code star --n 3")
        print("3. Run the harness: python -m app.main verify-paper --suite star --n 3")
    else:
        print("⚠ Some tests failed. Please check the errors above.")
        print("\nCommon fixes:")
        print("1. Run: pip install -r requirements.txt")
        print("2. Create .env file: copy .env.example .env")
    print("=" * 60)

    return 0 if all_passed else 1


if __name__ == "__main__":
    sys.exit(main())
