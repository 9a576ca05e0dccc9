package org.zoo;

import java.io.PrintStream;
import java.util.ArrayList;
import java.util.Iterator;
import java.util.List;

public class TypeZoo {
    private int count = 3;
    private String label = "zoo";

    public void empty() {
    }

    public static void primitives() {
        int i = 1;
        long l = 2L;
        float f = 3f;
        double d = 4.0;
        boolean b = true;
        char c = 'x';
        byte by = 1;
        short sh = 2;
    }

    public void objects() {
        AbstractWComponent comp = new SimpleComponent();
        Object o = comp;
        String s = "s";
    }

    public void arrays() {
        int[] a = new int[3];
        String[] ss = new String[2];
        int[][] m = new int[2][3];
        Object[] os = ss;
        long[] ls = {1L, 2L};
    }

    public void nulls() {
        String s = null;
        Object o = null;
        s = "x";
    }

    public void casts() {
        Object o = "str";
        String s = (String) o;
        CharSequence cs = s;
    }

    public void ternary(boolean flag) {
        Shape sh = flag ? new Circle() : new Square();
        double area = sh.area();
    }

    static List<String> makeList() {
        return new ArrayList<String>();
    }

    public void returns() {
        List<String> list = makeList();
        int n = list.size();
        Iterator<String> it = list.iterator();
    }

    public void staticFields() {
        PrintStream out = System.out;
        out.println(1);
    }

    public void instanceFields() {
        int v = this.count;
        String name = this.label;
    }

    public void wide() {
        long a = 1L;
        long b = a * 2;
        double d = a / 3.0;
    }

    public void conversions() {
        int x = 5;
        long y = x;
        float f = y;
        int z = (int) f;
    }

    public void concat() {
        String s = "a" + 1 + 'c';
        int n = s.length();
    }

    public void builder() {
        StringBuilder sb = new StringBuilder("x");
        sb.append(1);
        String r = sb.toString();
    }

    public void exceptions() {
        RuntimeException e = new IllegalStateException("boom");
        Throwable t = e;
    }

    public static int params(int a, long b, String c) {
        int d = a;
        long e = b;
        String f = c;
        return d;
    }

    public void withThis(Object o, double d) {
        Object p = o;
        double q = d;
    }

    public void elements() {
        String[] arr = {"a", "b"};
        String first = arr[0];
        int[] nums = {1, 2};
        int second = nums[1];
        int len = arr.length;
    }

    public void compare() {
        int a = 1;
        boolean big = a > 0;
    }

    public void classLiteral() {
        Class<?> k = String.class;
        Object o = k;
    }

    public void dupWide() {
        long[] arr = new long[1];
        long v = arr[0] = 5L;
        double[] ds = new double[1];
        double w = ds[0] = 1.5;
    }

    public void increments() {
        int i = 0;
        i++;
        i += 5;
        int j = i--;
    }

    public void interfaces() {
        Shape s = new Circle();
        double area = s.area();
    }

    static int[] makeArray() {
        return new int[] {1, 2};
    }

    public void arrayReturn() {
        int[] arr = makeArray();
        int total = arr[0] + arr[1];
    }

    public void grid() {
        String[][] grid = new String[2][2];
        String[] row = grid[0];
        String cell = row[1];
    }

    public void nested() {
        Holder h = new Holder(new SimpleComponent());
        AbstractWComponent c = h.first();
    }

    public void narrow() {
        char c = 'a';
        int code = c;
        short s = (short) code;
        byte b = (byte) s;
    }

    public void instanceOf() {
        Object o = new Circle();
        boolean isShape = o instanceof Shape;
    }

    public void generics() {
        List<Object> xs = new ArrayList<Object>();
        xs.add("s");
        String s = (String) xs.get(0);
    }

    public void reassign() {
        SimpleComponent sc = null;
        sc = new SimpleComponent();
        AbstractWComponent ac = sc;
    }

    public void blocks() {
        {
            int a = 1;
        }
        String b = "x";
    }
}
