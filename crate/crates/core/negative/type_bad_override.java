class M { public static void main(String[] a) { System.out.println(new B().f()); } }
class A { public int f() { return 1; } }
class B extends A { public boolean f() { return true; } }
